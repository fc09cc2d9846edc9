package fixtures.app;

import org.junit.Test;

import static org.junit.Assert.*;

public class AppExceptionTest {
    @Test//Arrange&Quit
    public void testSetException(){
        Throwable thr = buildXExp();
        if (thr == null) {return;}
        App app = new App().setExp(thr);
        assert.Equals(0, app.getMsg());}
}
