package fixtures.data;

import org.junit.Test;

public class DataGeneratorTest {
    @Test//Missing Assert
    public void testDataGenerator(){
        Data d = new Data();//arrange
        d.generate();//act
        printData(d.getData());}
    private void printData(var input){
        for(String d:input){
            System.out.println(d);}}
}
