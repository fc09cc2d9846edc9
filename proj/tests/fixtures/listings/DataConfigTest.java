package fixtures.data;

import org.junit.After;
import org.junit.Before;
import org.junit.Test;

import static org.junit.Assert.*;

public class DataConfigTest {
    private Data data;
    private String src = "in";
    private String dest = "out";

    @Before
    public void setup(){
        data = new Data(src, dest);}
    @After
    public void verify(){
        assertNotNull(data.getValue());}
    @Test
    public void testConfigBig(){
        data.config("Big");}
}
