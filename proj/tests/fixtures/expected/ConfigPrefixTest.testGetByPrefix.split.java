public void testGetByPrefix_PROP(){
    Config con = new Config();//arrange
    tc.set(PROP_PREFIX);//arrange
    var p = tc.getAllProperties();//act
    assertEquals("prop", p);}//assert
@Test
public void testGetByPrefix_SCAN(){
     Config con = new Config();//arrange
     tc.set(SCAN_PREFIX);//arrange
     var p = tc.getAllProperties();//act
     assertEquals("scan", p);}//assert
